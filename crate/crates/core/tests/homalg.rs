use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use realtame_core::homalg::*;
use realtame_core::linalg::PrimeField;
use realtame_core::random::{random_functor, random_poset, random_semilattice};
use std::sync::Arc;

#[test]
fn koszul_agrees_with_resolution_in_low_degrees() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=10);
        let p = Arc::new(random_poset(&mut rng, n, 0.35));
        let field = PrimeField::new(if rng.gen_bool(0.5) { 2 } else { 5 }).unwrap();
        let g = random_functor(&mut rng, p.clone(), field, 4);
        let res = minimal_resolution(&g, 3).unwrap();
        for a in p.elements() {
            for i in 0..=2 {
                assert_eq!(betti_koszul(&g, a, i).unwrap(), res.betti(i)[a], "degree {i} at {}", p.name(a));
            }
        }
    }
}

#[test]
fn koszul_agrees_with_resolution_on_semilattices_in_all_degrees() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..60 {
        let p = Arc::new(random_semilattice(&mut rng, 10));
        let field = PrimeField::new(if rng.gen_bool(0.5) { 2 } else { 5 }).unwrap();
        let g = random_functor(&mut rng, p.clone(), field, 4);
        let top = p.elements().map(|a| p.parents(a).len()).max().unwrap_or(0);
        let res = minimal_resolution(&g, top + 1).unwrap();
        for a in p.elements() {
            for i in 0..=top + 1 {
                assert_eq!(betti_koszul(&g, a, i).unwrap(), res.betti(i)[a], "degree {i} at {}", p.name(a));
            }
        }
    }
}
