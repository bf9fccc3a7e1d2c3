use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use realtame_core::homalg::{betti_koszul_diagram, minimal_resolution};
use realtame_core::linalg::PrimeField;
use realtame_core::random::{random_functor, random_mixed_poset, random_point, random_semilattice};
use realtame_core::realisation::*;
use realtame_core::transfer::tame::GridTransfer;
use std::sync::Arc;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dim_is_bounded_by_par_dim(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_mixed_poset(&mut rng, 12);
        for x in p.elements() {
            let d = p.dim(x).unwrap();
            let pd = p.par_dim(x).unwrap();
            prop_assert!(d <= pd);
            prop_assert_eq!(d == 0, pd == 0);
            prop_assert_eq!(d == 1, pd == 1);
            prop_assert!(pd <= p.parents(x).len());
        }
    }

    #[test]
    fn realisation_order_is_a_partial_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = random_mixed_poset(&mut rng, 8);
        let pts: Vec<RealPoint> =
            (0..6).map(|_| { let a = rng.gen_range(0..p.len()); random_point(&mut rng, &p, a, 4) }).collect();
        for x in &pts {
            prop_assert!(real_leq(&p, x, x));
            for y in &pts {
                prop_assert_eq!(real_leq_conditions(&p, x, y), real_leq_translation(&p, x, y));
                if real_leq(&p, x, y) && real_leq(&p, y, x) {
                    prop_assert_eq!(x, y);
                }
                for z in &pts {
                    if real_leq(&p, x, y) && real_leq(&p, y, z) {
                        prop_assert!(real_leq(&p, x, z));
                    }
                }
            }
        }
    }

    #[test]
    fn grid_transfer_is_a_retraction_below(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let base = Arc::new(random_semilattice(&mut rng, 6));
        prop_assume!(base.is_consistent());
        let top = base.global_max().unwrap();
        let spec = GridSpec::principal(base.clone(), top, vec![Q::new(-1, 2)]).unwrap();
        let t = GridTransfer::new(&spec).unwrap();
        for _ in 0..20 {
            let a = rng.gen_range(0..base.len());
            let p = random_point(&mut rng, &base, a, 6);
            if let Some(g) = t.apply(&p) {
                prop_assert!(real_leq(&base, &g, &p));
                prop_assert_eq!(t.apply(&g), Some(g));
            }
        }
    }

    #[test]
    fn koszul_homology_matches_resolutions(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Arc::new(random_mixed_poset(&mut rng, 8));
        let g = random_functor(&mut rng, p, PrimeField::new(3).unwrap(), 3);
        let res = minimal_resolution(&g, 2).unwrap();
        for i in 0..=2 {
            prop_assert_eq!(betti_koszul_diagram(&g, i).unwrap(), res.betti(i));
        }
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = Q::new(n, d);
        prop_assert_eq!(parse_rational(&format_rational(q)).unwrap(), q);
        prop_assert_eq!(parse_rational(&format_decimal(q)).unwrap(), q);
    }
}
