//! Left Kan extensions along poset maps and the adjunction they satisfy.

use super::transfer;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::homalg::{colimit, kernel, Colimit, NatTransformation, VectFunctor};
use crate::linalg::FpMatrix;
use crate::poset::{MonotoneMap, Poset};
use std::sync::Arc;

/// A left Kan extension `f^k G` on the target, with the unit
/// `G -> (f^k G) o f` on the source.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub functor: VectFunctor,
    pub unit: NatTransformation,
}

fn same_poset(arc: &Arc<Poset>, p: &Poset) -> Result<()> {
    if arc.names() != p.names() {
        return Err(Error::PreconditionFailed("functor lives on a different poset than the map".into()));
    }
    Ok(())
}

/// `f^k G(a) = G(f^!(a))`, or `0` when nothing maps below `a`. Needs `f`
/// to be a homomorphism.
pub fn kan_extend_hom(g: &VectFunctor, f: &MonotoneMap, target: Arc<Poset>) -> Result<KanExtension> {
    same_poset(g.poset(), f.source)?;
    same_poset(&target, f.target)?;
    if let Some(w) = f.homomorphism_violation()? {
        let names: Vec<&str> = w.iter().map(|&x| f.source.name(x)).collect();
        return Err(Error::NotHomomorphism(names.join(", ")));
    }
    let t = transfer(f)?;
    let field = g.field();
    let dims = t.iter().map(|s| s.map_or(0, |s| g.dim(s))).collect();
    let functor = VectFunctor::from_cover_fn(target, field, dims, |a, b| match (t[a], t[b]) {
        (Some(x), Some(y)) => g.map(x, y),
        (None, y) => FpMatrix::zeros(field, y.map_or(0, |y| g.dim(y)), 0),
        (Some(_), None) => unreachable!("transfer is monotone"),
    });
    let unit = NatTransformation {
        components: f.source.elements().map(|x| g.map(x, t[f.apply(x)].expect("x maps below f(x)"))).collect(),
    };
    Ok(KanExtension { functor, unit })
}

/// `f^k G(a) = colim_{(f <= a)} G` for any monotone `f`.
pub fn kan_extend_general(g: &VectFunctor, f: &MonotoneMap, target: Arc<Poset>) -> Result<KanExtension> {
    same_poset(g.poset(), f.source)?;
    same_poset(&target, f.target)?;
    if !f.is_functor() {
        return Err(Error::PreconditionFailed("map is not monotone".into()));
    }
    let colims = preimage_colimits(g, f);
    let dims = colims.iter().map(|c| c.dim).collect();
    let mut err = None;
    let functor = VectFunctor::from_cover_fn(target, g.field(), dims, |a, b| {
        let cb = &colims[b];
        colims[a].induced_map(cb.dim, |q| cb.projection(q).expect("fibres grow").clone()).unwrap_or_else(|e| {
            err = Some(e);
            FpMatrix::zeros(g.field(), cb.dim, colims[a].dim)
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let unit = NatTransformation {
        components: f
            .source
            .elements()
            .map(|x| colims[f.apply(x)].projection(x).expect("x lies in its own fibre").clone())
            .collect(),
    };
    Ok(KanExtension { functor, unit })
}

fn preimage_colimits(g: &VectFunctor, f: &MonotoneMap) -> Vec<Colimit> {
    f.target.elements().map(|a| colimit(g, &BitSet::from_iter(f.source.len(), f.preimage_below(a)))).collect()
}

/// `f^k phi` computed with colimits: the map between the colimit formulas
/// for the source and target of `phi`.
pub fn kan_extend_general_map(
    phi: &NatTransformation,
    src: &VectFunctor,
    tgt: &VectFunctor,
    f: &MonotoneMap,
) -> Result<NatTransformation> {
    let cs = preimage_colimits(src, f);
    let ct = preimage_colimits(tgt, f);
    let components = cs
        .iter()
        .zip(&ct)
        .map(|(a, b)| a.induced_map(b.dim, |q| b.projection(q).expect("same fibre").mul(&phi.components[q])))
        .collect::<Result<Vec<_>>>()?;
    Ok(NatTransformation { components })
}

/// Checks that the two constructions agree: the canonical maps
/// `G(f^!(a)) -> colim_{(f <= a)} G` are invertible and natural.
pub fn kan_extensions_agree(hom: &KanExtension, general: &KanExtension, f: &MonotoneMap) -> Result<bool> {
    let t = transfer(f)?;
    let mut psi = Vec::new();
    for a in f.target.elements() {
        if hom.functor.dim(a) != general.functor.dim(a) {
            return Ok(false);
        }
        let m = match t[a] {
            // the unit at f^!(a), pushed forward to a
            Some(s) => general.functor.map(f.apply(s), a).mul(&general.unit.components[s]),
            None => FpMatrix::zeros(hom.functor.field(), general.functor.dim(a), 0),
        };
        if m.inverse().is_none() {
            return Ok(false);
        }
        psi.push(m);
    }
    let psi = NatTransformation { components: psi };
    Ok(psi.check(&hom.functor, &general.functor).is_ok())
}

/// Basis of the space of natural transformations `F -> G`.
pub fn nat_space_basis(f: &VectFunctor, g: &VectFunctor) -> Vec<NatTransformation> {
    let p = f.poset();
    let field = f.field();
    let mut offset = Vec::with_capacity(p.len());
    let mut unknowns = 0;
    for x in p.elements() {
        offset.push(unknowns);
        unknowns += g.dim(x) * f.dim(x);
    }
    // phi_x[i][j] is unknown offset[x] + i * f.dim(x) + j
    let mut rows: Vec<Vec<(usize, u32)>> = Vec::new();
    for (x, y) in p.covers() {
        let gm = g.cover_map(x, y);
        let fm = f.cover_map(x, y);
        for i in 0..g.dim(y) {
            for j in 0..f.dim(x) {
                let mut row = Vec::new();
                for k in 0..g.dim(x) {
                    let c = gm.get(i, k);
                    if c != 0 {
                        row.push((offset[x] + k * f.dim(x) + j, c));
                    }
                }
                for l in 0..f.dim(y) {
                    let c = fm.get(l, j);
                    if c != 0 {
                        row.push((offset[y] + i * f.dim(y) + l, field.neg(c)));
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut system = FpMatrix::zeros(field, rows.len(), unknowns);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            system.set(r, c, field.add(system.get(r, c), v));
        }
    }
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|b| NatTransformation {
            components: p
                .elements()
                .map(|x| {
                    let mut m = FpMatrix::zeros(field, g.dim(x), f.dim(x));
                    for i in 0..g.dim(x) {
                        for j in 0..f.dim(x) {
                            m.set(i, j, kernel.get(offset[x] + i * f.dim(x) + j, b));
                        }
                    }
                    m
                })
                .collect(),
        })
        .collect()
}

pub fn nat_space_dim(f: &VectFunctor, g: &VectFunctor) -> usize {
    nat_space_basis(f, g).len()
}

/// Outcome of comparing `Nat_J(f^k G, F)` with `Nat_I(G, F o f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub left_dim: usize,
    pub right_dim: usize,
    /// The two explicit correspondences are mutually inverse on bases.
    pub round_trip: bool,
}

/// Compares both sides of the adjunction for a homomorphism `f : I -> J`,
/// a functor `G` on `I` and a functor `F` on `J`.
pub fn adjunction_check(f: &MonotoneMap, g: &VectFunctor, target_functor: &VectFunctor) -> Result<AdjunctionReport> {
    let kan = kan_extend_hom(g, f, target_functor.poset().clone())?;
    let t = transfer(f)?;
    let source = g.poset().clone();
    let ff = target_functor.restrict_along(f, source.clone());
    let left = nat_space_basis(&kan.functor, target_functor);
    let right = nat_space_basis(g, &ff);
    let bar = |phi: &NatTransformation| NatTransformation {
        components: source
            .elements()
            .map(|x| {
                let fx = f.apply(x);
                let s = t[fx].expect("x maps below f(x)");
                phi.components[fx].mul(&g.map(x, s))
            })
            .collect(),
    };
    let hat = |psi: &NatTransformation| NatTransformation {
        components: f
            .target
            .elements()
            .map(|a| match t[a] {
                Some(s) => target_functor.map(f.apply(s), a).mul(&psi.components[s]),
                None => FpMatrix::zeros(g.field(), target_functor.dim(a), 0),
            })
            .collect(),
    };
    let mut round_trip = true;
    for phi in &left {
        let b = bar(phi);
        round_trip &= b.check(g, &ff).is_ok() && hat(&b) == *phi;
    }
    for psi in &right {
        let h = hat(psi);
        round_trip &= h.check(&kan.functor, target_functor).is_ok() && bar(&h) == *psi;
    }
    Ok(AdjunctionReport { left_dim: left.len(), right_dim: right.len(), round_trip })
}

/// Compares `f^k (ker phi)` with `ker (f^k phi)` pointwise, both computed
/// with colimits.
pub fn kan_kernel_dims(
    phi: &NatTransformation,
    src: &VectFunctor,
    tgt: &VectFunctor,
    f: &MonotoneMap,
    target: Arc<Poset>,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let (k, _) = kernel(phi, src);
    let kan_of_kernel = kan_extend_general(&k, f, target.clone())?.functor;
    let kan_phi = kan_extend_general_map(phi, src, tgt, f)?;
    let kernel_of_kan = kan_phi.components.iter().map(|m| m.cols() - m.rank()).collect();
    Ok((kan_of_kernel.dims().to_vec(), kernel_of_kan))
}
