mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use sncdual::snc::{
    blowup, dual_complex, gen_random, make_simplicial, validate_config, RandomConfigParams, SncConfiguration,
};
use sncdual::weight::{build_e1, kunneth_product, w0, weight_table, WeightTable};
use sncdual::{
    betti, boundary_matrices, euler_characteristic, join_cone, link, star, stellar_subdivide, validate_complex,
    QuasiComplex, VertexId,
};

fn complex(seed: u64, max: usize) -> QuasiComplex {
    random_quasicomplex(&mut ChaCha8Rng::seed_from_u64(seed), max)
}

fn config(seed: u64) -> SncConfiguration {
    gen_random(&RandomConfigParams::new(seed)).unwrap()
}

fn b(k: &QuasiComplex) -> Vec<usize> {
    betti(k, false).unwrap().trimmed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_complexes_are_valid(seed in any::<u64>()) {
        prop_assert!(validate_complex(&complex(seed, 24)).is_valid());
    }

    #[test]
    fn boundary_of_boundary_vanishes(seed in any::<u64>()) {
        let k = complex(seed, 24);
        let ms = boundary_matrices(&k).unwrap();
        for w in ms.windows(2) {
            prop_assert!(w[0].matrix.mul(&w[1].matrix).is_zero());
        }
    }

    #[test]
    fn betti_matches_naive_elimination(seed in any::<u64>()) {
        let k = complex(seed, 20);
        prop_assert_eq!(betti(&k, false).unwrap().betti, oracle_betti(&k));
    }

    #[test]
    fn euler_characteristic_from_betti(seed in any::<u64>()) {
        let k = complex(seed, 24);
        prop_assert_eq!(betti(&k, false).unwrap().euler_characteristic(), euler_characteristic(&k));
    }

    #[test]
    fn subdivision_preserves_betti(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let k = complex(seed, 24);
        let cells: Vec<_> = k.simplices().cloned().collect();
        let s = stellar_subdivide(&k, pick.get(&cells)).unwrap();
        prop_assert!(validate_complex(&s).is_valid());
        prop_assert_eq!(b(&s), b(&k));
    }

    #[test]
    fn star_and_link_are_consistent(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let k = complex(seed, 24);
        let cells: Vec<_> = k.simplices().cloned().collect();
        let sigma = pick.get(&cells);
        let st = star(&k, sigma).unwrap();
        let lk = link(&k, sigma).unwrap();
        prop_assert!(st.contains(sigma));
        prop_assert!(validate_complex(&lk).is_valid());
        for s in lk.simplices() {
            prop_assert!(!st.contains(s));
        }
    }

    #[test]
    fn relabel_and_union(seed in any::<u64>(), other in any::<u64>()) {
        let k = complex(seed, 16);
        let l = complex(other, 16).relabel(|v| VertexId::new(format!("w{}", v.as_str())));
        let u = k.disjoint_union(&l).unwrap();
        let (bk, bl, bu) = (betti(&k, false).unwrap().betti, betti(&l, false).unwrap().betti, betti(&u, false).unwrap().betti);
        for p in 0..bu.len() {
            prop_assert_eq!(bu[p], bk.get(p).copied().unwrap_or(0) + bl.get(p).copied().unwrap_or(0));
        }
        prop_assert!(k.disjoint_union(&k).is_err());
    }

    #[test]
    fn cones_are_acyclic(seed in any::<u64>()) {
        let k = complex(seed, 16);
        let c = join_cone("apex", &k).unwrap();
        prop_assert!(validate_complex(&c).is_valid());
        prop_assert_eq!(betti(&c, true).unwrap().trimmed(), Vec::<usize>::new());
    }

    #[test]
    fn complex_json_round_trip(seed in any::<u64>()) {
        let k = complex(seed, 24);
        prop_assert_eq!(QuasiComplex::from_json(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn config_json_round_trip_is_exact(seed in any::<u64>()) {
        let c = config(seed);
        let text = c.to_json();
        let back = SncConfiguration::from_json(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn generator_is_deterministic(seed in any::<u64>()) {
        prop_assert_eq!(config(seed), config(seed));
        prop_assert!(validate_config(&config(seed)).is_valid());
    }

    #[test]
    fn w0_survives_blowups(seed in any::<u64>()) {
        let c = config(seed);
        let before = w0(&c).unwrap().trimmed();
        let ids = all_ids(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (next, _) = blowup(&c, &ids[rng.random_range(0..ids.len())]).unwrap();
        prop_assert_eq!(w0(&next).unwrap().trimmed(), before.clone());
        if c.is_divisorial() {
            let (s, _) = make_simplicial(&c).unwrap();
            prop_assert!(dual_complex(&s).unwrap().is_simplicial());
            prop_assert_eq!(w0(&s).unwrap().trimmed(), before);
        }
    }

    #[test]
    fn d1_squares_to_zero(seed in any::<u64>()) {
        let c = config(seed);
        let (l, _) = random_local_system(&mut ChaCha8Rng::seed_from_u64(seed), &c);
        let e = build_e1(&c, &l).unwrap();
        for p in 0..e.columns_len().saturating_sub(2) {
            for q in 0..e.rows_len() {
                prop_assert!(e.d1[p + 1][q].mul(&e.d1[p][q]).is_zero());
            }
        }
        // row 0 is forced to the constant system
        let t = weight_table(&e, 0).unwrap();
        prop_assert_eq!(trim(&t.gr_dims[0]), w0(&c).unwrap().trimmed());
        prop_assert_eq!(oracle_total(&e), t.total_dims);
    }

    #[test]
    fn kunneth_laws(a in 0u64..400, bb in 0u64..400, cc in 0u64..400) {
        let table = |seed: u64| {
            let c = gen_random(&RandomConfigParams { seed, max_ambient_dim: 3, max_components: 4, max_strata: 5 }).unwrap();
            let (l, _) = random_local_system(&mut ChaCha8Rng::seed_from_u64(seed), &c);
            weight_table(&build_e1(&c, &l).unwrap(), 3).unwrap()
        };
        let (x, y, z) = (table(a), table(bb), table(cc));
        prop_assert_eq!(kunneth_product(&x, &y), kunneth_product(&y, &x));
        prop_assert_eq!(kunneth_product(&kunneth_product(&x, &y), &z), kunneth_product(&x, &kunneth_product(&y, &z)));
        prop_assert_eq!(kunneth_product(&x, &WeightTable::point()), x.clone());
        let p = kunneth_product(&x, &y);
        for i in 0..p.degrees() {
            let expected: usize = (0..=i).map(|r| x.total_dims.get(r).copied().unwrap_or(0) * y.total_dims.get(i - r).copied().unwrap_or(0)).sum();
            prop_assert_eq!(p.total_dims.get(i).copied().unwrap_or(0), expected);
        }
    }
}
