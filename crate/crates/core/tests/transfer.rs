use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use realtame_core::bitset::BitSet;
use realtame_core::poset::*;
use realtame_core::random::random_point;
use realtame_core::realisation::*;
use realtame_core::transfer::tame::GridTransfer;
use std::sync::Arc;

/// The largest grid point below `p`, found by scanning the whole grid.
fn oracle(grid: &Grid, p: &RealPoint) -> Option<RealPoint> {
    let base = grid.base();
    let below = BitSet::from_iter(grid.len(), (0..grid.len()).filter(|&g| real_leq(base, &grid.points[g], p)));
    if below.is_empty() {
        return None;
    }
    let m = grid.poset.maximum_of(&below).expect("grid points below p have a maximum");
    Some(grid.points[m].clone())
}

fn bases() -> Vec<(Poset, &'static str)> {
    vec![
        (chain_product(4, 2), "2,2"),
        (chain_product(3, 2), "3,3"),
        (chain_product(2, 3), "1,1,1"),
        (discrete_cube(&["a", "b", "c"]), "{a,b,c}"),
        (suspension(&["x", "y", "z"]).unwrap(), "top"),
        (chain(4), "2"),
        (
            Poset::new(
                &["l1", "l2", "l3", "m", "r"],
                &[("l1", "m"), ("l2", "m"), ("m", "r"), ("l3", "r")],
                CoverPolicy::Reject,
            )
            .unwrap(),
            "m",
        ),
    ]
}

#[test]
fn closed_form_matches_brute_force() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut minus_inf = 0;
    let value_sets = [
        vec![],
        vec![Q::new(-1, 2)],
        vec![Q::new(-2, 3), Q::new(-1, 3)],
        vec![Q::new(-3, 4), Q::new(-1, 2), Q::new(-1, 5)],
    ];
    for (base, top) in bases() {
        let base = Arc::new(base);
        assert!(base.is_upper_semilattice() && base.is_consistent(), "{top}");
        for v in &value_sets {
            let spec = GridSpec::principal(base.clone(), base.index_of(top).unwrap(), v.clone()).unwrap();
            let grid = Grid::build(spec.clone()).unwrap();
            let t = GridTransfer::new(&spec).unwrap();
            for _ in 0..300 {
                let a = rng.gen_range(0..base.len());
                let p = random_point(&mut rng, &base, a, 12);
                let expected = oracle(&grid, &p);
                minus_inf += usize::from(expected.is_none());
                assert_eq!(t.apply(&p), expected, "{} in grid over {top} with V={v:?}", p.encode(&base));
            }
            for g in &grid.points {
                assert_eq!(t.apply(g).as_ref(), Some(g));
            }
        }
    }
    assert!(minus_inf > 0, "no sampled point lies below the whole grid");
}
