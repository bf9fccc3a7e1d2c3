//! Random instances for property checks: posets, semilattices, functors,
//! homomorphisms and realisation points.

use crate::homalg::{cokernel, kernel, FreeFunctor, VectFunctor};
use crate::linalg::PrimeField;
use crate::poset::{CoverPolicy, Poset};
use crate::realisation::{RealPoint, Q};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A random poset on `n` elements `"e0", "e1", ...`: each pair `i < j`
/// is related with probability `density` before taking the transitive closure.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                covers.push((names[perm[i]].clone(), names[perm[j]].clone()));
            }
        }
    }
    Poset::new(&names, &covers, CoverPolicy::Reduce).expect("edges follow a linear order")
}

/// A mix of random posets, random semilattices and random subposets of small
/// cubes and grids, with at most `max_size` elements.
pub fn random_mixed_poset<R: Rng>(rng: &mut R, max_size: usize) -> Poset {
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(1..=max_size);
            let density = rng.gen_range(0.2..0.6);
            random_poset(rng, n, density)
        }
        1 => random_semilattice(rng, max_size),
        _ => {
            let ambient = match rng.gen_range(0..4) {
                0 => crate::poset::chain_product(2, 2),
                1 => crate::poset::discrete_cube(&["a", "b", "c"]),
                2 => crate::poset::chain_product(1, 3),
                _ => crate::poset::product_poset(&crate::poset::chain(1), &crate::poset::chain(3)),
            };
            let mut keep: Vec<usize> = ambient.elements().filter(|_| rng.gen_bool(0.8)).collect();
            keep.truncate(max_size);
            if keep.is_empty() {
                keep.push(0);
            }
            ambient.subposet(&keep).expect("subposet of a poset")
        }
    }
}

fn set_name(s: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Sets ordered by inclusion, given as a list of distinct sets.
pub fn inclusion_poset(sets: &[BTreeSet<usize>]) -> Poset {
    let names = sets.iter().map(set_name).collect();
    Poset::from_order(names, |i, j| sets[i].is_subset(&sets[j])).expect("inclusion is a partial order")
}

fn union_closure(mut family: BTreeSet<BTreeSet<usize>>) -> BTreeSet<BTreeSet<usize>> {
    loop {
        let current: Vec<BTreeSet<usize>> = family.iter().cloned().collect();
        let before = family.len();
        for a in &current {
            for b in &current {
                family.insert(a.union(b).copied().collect());
            }
        }
        if family.len() == before {
            return family;
        }
    }
}

fn random_subset<R: Rng>(rng: &mut R, universe: usize) -> BTreeSet<usize> {
    (0..universe).filter(|_| rng.gen_bool(0.45)).collect()
}

/// A random family of subsets closed under union, with at most `max_size`
/// members; an upper semilattice under inclusion where joins are unions.
pub fn random_union_closed<R: Rng>(rng: &mut R, max_size: usize) -> Vec<BTreeSet<usize>> {
    let mut fallback = vec![BTreeSet::new()];
    for _ in 0..100 {
        let universe = rng.gen_range(2..=5);
        let seeds = rng.gen_range(2..=5);
        let family: BTreeSet<BTreeSet<usize>> = (0..seeds).map(|_| random_subset(rng, universe)).collect();
        let closed = union_closure(family);
        if closed.len() <= max_size {
            if closed.len() >= 5.min(max_size) {
                return closed.into_iter().collect();
            }
            fallback = closed.into_iter().collect();
        }
    }
    fallback
}

/// A random family closed under intersection and containing the universe,
/// hence a lattice; every finite lattice arises this way.
pub fn random_moore_family<R: Rng>(rng: &mut R, max_size: usize) -> Vec<BTreeSet<usize>> {
    let mut fallback = vec![BTreeSet::new()];
    for _ in 0..100 {
        let universe = rng.gen_range(2..=5);
        let seeds = rng.gen_range(2..=5);
        let mut family: BTreeSet<BTreeSet<usize>> = (0..seeds).map(|_| random_subset(rng, universe)).collect();
        family.insert((0..universe).collect());
        loop {
            let current: Vec<BTreeSet<usize>> = family.iter().cloned().collect();
            let before = family.len();
            for a in &current {
                for b in &current {
                    family.insert(a.intersection(b).copied().collect());
                }
            }
            if family.len() == before {
                break;
            }
        }
        if family.len() <= max_size {
            if family.len() >= 5.min(max_size) {
                return family.into_iter().collect();
            }
            fallback = family.into_iter().collect();
        }
    }
    fallback
}

/// A random finite upper semilattice with at most `max_size` elements:
/// a union-closed family, a lattice, or a lattice with its minimum removed.
pub fn random_semilattice<R: Rng>(rng: &mut R, max_size: usize) -> Poset {
    match rng.gen_range(0..3) {
        0 => inclusion_poset(&random_union_closed(rng, max_size)),
        1 => inclusion_poset(&random_moore_family(rng, max_size)),
        _ => {
            let mut sets = random_moore_family(rng, max_size + 1);
            if sets.len() > 1 {
                // sets are sorted, and the minimum of a Moore family is its smallest set
                let min = sets.iter().min_by_key(|s| s.len()).unwrap().clone();
                sets.retain(|s| *s != min);
            }
            sets.truncate(max_size);
            let p = inclusion_poset(&sets);
            if p.is_upper_semilattice() {
                p
            } else {
                inclusion_poset(&random_union_closed(rng, max_size))
            }
        }
    }
}

/// A random homomorphism `f : I -> J` between union-closed families:
/// `f(X)` is the union of the images of the members of `X`.
pub struct RandomHomomorphism {
    pub source: Poset,
    pub target: Poset,
    pub mapping: Vec<usize>,
}

pub fn random_homomorphism<R: Rng>(rng: &mut R, max_source: usize, max_target: usize) -> RandomHomomorphism {
    loop {
        let source_sets = random_union_closed(rng, max_source);
        let universe = source_sets.iter().flatten().max().map_or(1, |m| m + 1);
        let target_universe = rng.gen_range(1..=3);
        let images: Vec<BTreeSet<usize>> = if rng.gen_bool(0.2) {
            // inclusion into a larger family
            (0..universe).map(|s| BTreeSet::from([s])).collect()
        } else {
            (0..universe).map(|_| random_subset(rng, target_universe)).collect()
        };
        let f =
            |x: &BTreeSet<usize>| -> BTreeSet<usize> { x.iter().flat_map(|&s| images[s].iter().copied()).collect() };
        let mut family: BTreeSet<BTreeSet<usize>> = source_sets.iter().map(f).collect();
        let extras = rng.gen_range(0..=2);
        let span = family.iter().flatten().max().map_or(1, |m| m + 1).max(target_universe);
        for _ in 0..extras {
            family.insert(random_subset(rng, span));
        }
        let target_sets: Vec<BTreeSet<usize>> = union_closure(family).into_iter().collect();
        if target_sets.len() > max_target {
            continue;
        }
        let mapping = source_sets.iter().map(|x| target_sets.iter().position(|t| *t == f(x)).unwrap()).collect();
        return RandomHomomorphism {
            source: inclusion_poset(&source_sets),
            target: inclusion_poset(&target_sets),
            mapping,
        };
    }
}

/// A random functor with every value of dimension at most `max_dim`: the
/// cokernel or the kernel of a random map between free functors.
pub fn random_functor<R: Rng>(rng: &mut R, poset: Arc<Poset>, field: PrimeField, max_dim: usize) -> VectFunctor {
    if rng.gen_bool(0.35) && !poset.is_empty() && max_dim > 0 {
        let mut g = random_interval_functor(rng, poset.clone(), field);
        while rng.gen_bool(0.4) && g.dims().iter().all(|&d| d < max_dim) {
            g = g.direct_sum(&random_interval_functor(rng, poset.clone(), field));
        }
        return g;
    }
    for attempt in 0..400 {
        let scale = if attempt < 200 { 1.0 } else { 0.5 };
        let beta0: Vec<usize> =
            poset.elements().map(|_| if rng.gen_bool(0.35 * scale) { rng.gen_range(1..=2) } else { 0 }).collect();
        let beta1: Vec<usize> =
            poset.elements().map(|_| if rng.gen_bool(0.4 * scale) { rng.gen_range(1..=2) } else { 0 }).collect();
        let p0 = FreeFunctor::new(poset.clone(), field, &beta0);
        let p1 = FreeFunctor::new(poset.clone(), field, &beta1);
        let use_kernel = rng.gen_bool(0.35);
        let (src, tgt) = if use_kernel { (&p0, &p1) } else { (&p1, &p0) };
        let tgt_functor = tgt.to_functor();
        let images: Vec<Vec<u32>> = src
            .generators()
            .iter()
            .map(|&b| (0..tgt_functor.dim(b)).map(|_| rng.gen_range(0..field.p())).collect())
            .collect();
        let phi = src.morphism_to(&tgt_functor, &images);
        let g = if use_kernel { kernel(&phi, &src.to_functor()).0 } else { cokernel(&phi, &tgt_functor).0 };
        if g.dims().iter().all(|&d| d <= max_dim) && (!g.is_zero() || attempt > 50) {
            return g;
        }
    }
    VectFunctor::zero(poset, field)
}

/// `K` on a random convex subset, with identity maps inside it and zero
/// maps elsewhere.
pub fn random_interval_functor<R: Rng>(rng: &mut R, poset: Arc<Poset>, field: PrimeField) -> VectFunctor {
    let n = poset.len();
    let lows: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
    // upper ends are drawn above the first lower end to keep supports small
    let above: Vec<usize> = poset.up_set(lows[0]).iter().collect();
    let mut highs: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| *above.choose(rng).unwrap()).collect();
    let mut up = crate::bitset::BitSet::new(n);
    for &l in &lows {
        up.union_with(poset.up_set(l));
    }
    if highs.is_empty() {
        highs = (0..n).collect();
    }
    let mut down = crate::bitset::BitSet::new(n);
    for &h in &highs {
        down.union_with(poset.down_set(h));
    }
    let support = up.intersection(&down);
    let dims: Vec<usize> = (0..n).map(|x| usize::from(support.contains(x))).collect();
    VectFunctor::from_cover_fn(poset, field, dims.clone(), |x, y| {
        if dims[x] == 1 && dims[y] == 1 {
            crate::linalg::FpMatrix::identity(field, 1)
        } else {
            crate::linalg::FpMatrix::zeros(field, dims[y], dims[x])
        }
    })
}

/// A random point over `base` with values `-k/den` for `den` up to `max_den`.
pub fn random_point<R: Rng>(rng: &mut R, poset: &Poset, base: usize, max_den: i64) -> RealPoint {
    let mut parents = poset.parents(base).to_vec();
    parents.shuffle(rng);
    let mut chosen = Vec::new();
    let mut anc = crate::bitset::BitSet::full(poset.len());
    for x in parents {
        let next = anc.intersection(poset.down_set(x));
        if !next.is_empty() && rng.gen_bool(0.6) {
            anc = next;
            chosen.push(x);
        }
    }
    let coords = chosen.into_iter().map(|x| {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(0..den);
        (x, Q::new(-num, den))
    });
    RealPoint::new(poset, base, coords).expect("support has an ancestor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let s = random_semilattice(&mut rng, 10);
            assert!(s.len() <= 10 && s.is_upper_semilattice());
            let h = random_homomorphism(&mut rng, 10, 16);
            let f = crate::poset::MonotoneMap::functor(&h.source, &h.target, h.mapping.clone()).unwrap();
            assert!(f.is_homomorphism().unwrap());
            let p = Arc::new(random_poset(&mut rng, 8, 0.3));
            let g = random_functor(&mut rng, p.clone(), PrimeField::new(5).unwrap(), 4);
            g.validate().unwrap();
            assert!(g.dims().iter().all(|&d| d <= 4));
            for a in p.elements() {
                random_point(&mut rng, &p, a, 6);
            }
        }
    }
}
