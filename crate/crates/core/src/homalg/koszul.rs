//! Koszul complexes at an element and the Betti numbers they certify.
//!
//! At `a`, degree 0 is `G(a)` and degree `k >= 1` is the direct sum, over
//! `k`-element sets `S` of parents of `a` having an ancestor, of the colimit
//! of `G` over the common ancestors of `S`. The differential drops one
//! parent at a time with alternating signs, parents being ordered by a fixed
//! total order (by default lexicographic on ids).

use super::colimit::{colimit, Colimit};
use super::{NatTransformation, VectFunctor};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    pub element: usize,
    /// Parents of the element in the order used for signs.
    pub order: Vec<usize>,
    /// `subsets[k]` lists the index sets of degree `k` (empty for `k = 0`).
    pub subsets: Vec<Vec<Vec<usize>>>,
    colimits: Vec<Vec<Colimit>>,
    /// Dimension of each degree.
    pub dims: Vec<usize>,
    /// `differentials[k - 1]` is `d_k : C_k -> C_{k-1}`.
    pub differentials: Vec<FpMatrix>,
}

impl KoszulComplex {
    /// `dim H_k` for every degree `k` with a non-zero term, plus one more.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(|d| d.rank()).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = if k == 0 { 0 } else { ranks[k - 1] };
                let inc = ranks.get(k).copied().unwrap_or(0);
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn homology_dim(&self, k: usize) -> usize {
        self.homology_dims().get(k).copied().unwrap_or(0)
    }

    /// Checks `d_{k-1} d_k = 0`.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

pub fn koszul_complex(g: &VectFunctor, a: usize) -> Result<KoszulComplex> {
    let order = g.poset().parents_by_id(a);
    koszul_complex_ordered(g, a, &order)
}

/// The Koszul complex using the given order of the parents of `a`.
pub fn koszul_complex_ordered(g: &VectFunctor, a: usize, order: &[usize]) -> Result<KoszulComplex> {
    let p = g.poset();
    let field = g.field();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != p.parents(a) {
        return Err(Error::PreconditionFailed("order must list exactly the parents".into()));
    }
    let mut subsets: Vec<Vec<Vec<usize>>> = vec![vec![vec![]]];
    p.for_each_ancestral_subset(order, |s| {
        if !s.is_empty() {
            if subsets.len() <= s.len() {
                subsets.resize(s.len() + 1, Vec::new());
            }
            subsets[s.len()].push(s.to_vec());
        }
        true
    });
    let colimits: Vec<Vec<Colimit>> = subsets
        .iter()
        .enumerate()
        .map(|(k, ss)| if k == 0 { vec![] } else { ss.iter().map(|s| colimit(g, &p.common_ancestors(s))).collect() })
        .collect();
    let mut dims = vec![g.dim(a)];
    for cs in colimits.iter().skip(1) {
        dims.push(cs.iter().map(|c| c.dim).sum());
    }
    let mut differentials = Vec::new();
    for k in 1..subsets.len() {
        let mut d = FpMatrix::zeros(field, dims[k - 1], dims[k]);
        let lower_offsets = offsets(&colimits[k - 1]);
        let lower_pos: HashMap<&Vec<usize>, usize> = subsets[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut col = 0;
        for (s, c) in subsets[k].iter().zip(&colimits[k]) {
            if k == 1 {
                let m = c.induced_map(g.dim(a), |q| g.map(q, a))?;
                d.set_block(0, col, &m);
            } else {
                for j in 0..s.len() {
                    let mut t = s.clone();
                    t.remove(j);
                    let i = lower_pos[&t];
                    let target = &colimits[k - 1][i];
                    let m = c.induced_map(target.dim, |q| target.projection(q).expect("index grows").clone())?;
                    let m = if j % 2 == 1 { m.neg() } else { m };
                    let cur = d.block(lower_offsets[i], col, m.rows(), m.cols());
                    d.set_block(lower_offsets[i], col, &cur.add(&m)?);
                }
            }
            col += c.dim;
        }
        differentials.push(d);
    }
    let complex = KoszulComplex { element: a, order: order.to_vec(), subsets, colimits, dims, differentials };
    debug_assert!(complex.is_complex());
    Ok(complex)
}

fn offsets(colimits: &[Colimit]) -> Vec<usize> {
    if colimits.is_empty() {
        return vec![0];
    }
    let mut out = Vec::with_capacity(colimits.len());
    let mut acc = 0;
    for c in colimits {
        out.push(acc);
        acc += c.dim;
    }
    out
}

/// Whether Koszul homology in degree `i` at `a` is known to equal `beta^i`.
pub fn koszul_certified(g: &VectFunctor, a: usize, i: usize) -> bool {
    i <= 2 || g.poset().parents_have_products(a)
}

/// `(beta^i G)_a` read off the Koszul complex at `a`.
pub fn betti_koszul(g: &VectFunctor, a: usize, i: usize) -> Result<usize> {
    if !koszul_certified(g, a, i) {
        return Err(Error::KoszulValidityUnknown { element: g.poset().name(a).into(), degree: i });
    }
    if i > g.poset().parents(a).len() {
        return Ok(0);
    }
    Ok(koszul_complex(g, a)?.homology_dim(i))
}

/// `beta^i G` at every element.
pub fn betti_koszul_diagram(g: &VectFunctor, i: usize) -> Result<Vec<usize>> {
    g.poset().elements().map(|a| betti_koszul(g, a, i)).collect()
}

/// The chain map between Koszul complexes at `a` induced by `phi : F -> G`.
pub fn koszul_chain_map(phi: &NatTransformation, kf: &KoszulComplex, kg: &KoszulComplex) -> Result<Vec<FpMatrix>> {
    let a = kf.element;
    let field = phi.components[a].field();
    let mut out = vec![phi.components[a].clone()];
    for k in 1..kf.subsets.len() {
        let mut blocks = Vec::new();
        for (cf, cg) in kf.colimits[k].iter().zip(&kg.colimits[k]) {
            let m = cf.induced_map(cg.dim, |q| cg.projection(q).expect("same index").mul(&phi.components[q]))?;
            blocks.push(m);
        }
        out.push(FpMatrix::block_diagonal(field, &blocks));
    }
    Ok(out)
}

/// Degreewise comparison of the Koszul complexes of `0 -> F -> G -> H -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub element: usize,
    /// Chain dimensions of the complexes for `F`, `G` and `H`.
    pub chain_dims: [Vec<usize>; 3],
    pub homology: [Vec<usize>; 3],
    /// `dim G_k = dim F_k + dim H_k`, per degree.
    pub additive: Vec<bool>,
    /// The induced sequence of chain groups is exact, per degree.
    pub chain_exact: Vec<bool>,
    /// Degrees `k` below this bound are guaranteed additive; `None` means all.
    pub certified_below: Option<usize>,
}

impl ExactnessReport {
    pub fn certified_ok(&self) -> bool {
        let bound = self.certified_below.unwrap_or(self.additive.len()).min(self.additive.len());
        self.additive[..bound].iter().all(|&b| b) && self.chain_exact[..bound].iter().all(|&b| b)
    }

    /// Alternating sums of the homology dimensions.
    pub fn euler_characteristics(&self) -> [i64; 3] {
        self.homology
            .clone()
            .map(|h| h.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum())
    }
}

pub fn exactness_report(
    f: &VectFunctor,
    g: &VectFunctor,
    h: &VectFunctor,
    iota: &NatTransformation,
    pi: &NatTransformation,
    a: usize,
) -> Result<ExactnessReport> {
    iota.check(f, g)?;
    pi.check(g, h)?;
    let p = g.poset();
    for x in p.elements() {
        let i = &iota.components[x];
        let q = &pi.components[x];
        if i.rank() != f.dim(x) || q.rank() != h.dim(x) || !q.mul(i).is_zero() || g.dim(x) != f.dim(x) + h.dim(x) {
            return Err(Error::NotExact(p.name(x).into()));
        }
    }
    let order = p.parents_by_id(a);
    let kf = koszul_complex_ordered(f, a, &order)?;
    let kg = koszul_complex_ordered(g, a, &order)?;
    let kh = koszul_complex_ordered(h, a, &order)?;
    let mi = koszul_chain_map(iota, &kf, &kg)?;
    let mp = koszul_chain_map(pi, &kg, &kh)?;
    let degrees = kg.dims.len();
    let additive = (0..degrees).map(|k| kg.dims[k] == kf.dims[k] + kh.dims[k]).collect();
    let chain_exact = (0..degrees)
        .map(|k| {
            mi[k].rank() == kf.dims[k]
                && mp[k].rank() == kh.dims[k]
                && mp[k].mul(&mi[k]).is_zero()
                && kg.dims[k] == kf.dims[k] + kh.dims[k]
        })
        .collect();
    let certified_below = if p.parents_have_products(a) { None } else { Some(2) };
    Ok(ExactnessReport {
        element: a,
        chain_dims: [kf.dims.clone(), kg.dims.clone(), kh.dims.clone()],
        homology: [kf.homology_dims(), kg.homology_dims(), kh.homology_dims()],
        additive,
        chain_exact,
        certified_below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::free::free_functor;
    use crate::linalg::PrimeField;
    use crate::poset::{discrete_cube, suspension};
    use std::sync::Arc;

    #[test]
    fn constant_functor_on_a_suspension() {
        let p = Arc::new(suspension(&["x", "y", "z"]).unwrap());
        let f5 = PrimeField::new(5).unwrap();
        let g = VectFunctor::constant(p.clone(), f5, 1);
        let top = p.index_of("top").unwrap();
        let k = koszul_complex(&g, top).unwrap();
        assert!(k.is_complex());
        assert_eq!(k.dims, vec![1, 3, 3, 1]);
        // the constant functor is free on the bottom element
        assert_eq!(k.homology_dims(), vec![0, 0, 0, 0]);
        assert_eq!(betti_koszul(&g, top, 3).unwrap(), 0);
    }

    #[test]
    fn high_degrees_need_parent_products() {
        let covers: Vec<(&str, &str)> =
            ["x", "y", "w"].iter().flat_map(|m| [("u", *m), ("v", *m), (*m, "t")]).collect();
        let p = Arc::new(
            crate::poset::Poset::new(&["u", "v", "x", "y", "w", "t"], &covers, crate::poset::CoverPolicy::Reject)
                .unwrap(),
        );
        let g = VectFunctor::constant(p.clone(), PrimeField::two(), 1);
        let t = p.index_of("t").unwrap();
        assert!(matches!(betti_koszul(&g, t, 3), Err(Error::KoszulValidityUnknown { degree: 3, .. })));
        assert!(betti_koszul(&g, t, 2).is_ok());
    }

    #[test]
    fn free_functors_are_acyclic() {
        let p = Arc::new(discrete_cube(&["a", "b", "c"]));
        let beta: Vec<usize> = p.elements().map(|x| (x * 7 + 1) % 3).collect();
        let f = free_functor(p.clone(), PrimeField::new(5).unwrap(), &beta);
        for a in p.elements() {
            let h = koszul_complex(&f, a).unwrap().homology_dims();
            assert_eq!(h[0], beta[a]);
            assert!(h[1..].iter().all(|&d| d == 0));
        }
    }
}
