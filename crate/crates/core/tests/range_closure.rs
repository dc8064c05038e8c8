use chaoscrypt::{case_preset, combined_map, BaseMap, Case, ChaoticMap};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn presets_stay_in_unit_interval_over_a_million_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in Case::ALL {
        let spec = case_preset(case);
        let mut bad = Vec::new();
        for _ in 0..1_000_000 {
            let r = 4.0 - rng.random::<f64>() * 4.0;
            let x = rng.random::<f64>();
            match combined_map(&spec, r, x) {
                Ok(y) if (0.0..1.0).contains(&y) => {}
                other => bad.push((r, x, other)),
            }
            if bad.len() > 5 {
                break;
            }
        }
        assert!(bad.is_empty(), "case {case}: {bad:?}");
    }
}

#[test]
fn logistic_tent_stays_in_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let lts = ChaoticMap::Base(BaseMap::LogisticTent);
    for _ in 0..200_000 {
        let (r, x) = (4.0 - rng.random::<f64>() * 4.0, rng.random::<f64>());
        let y = lts.apply(r, x).unwrap();
        assert!((0.0..1.0).contains(&y), "{r} {x} {y}");
    }
}

proptest! {
    #[test]
    fn unit_endpoint_is_accepted(r in 1e-9f64..=4.0, case in prop::sample::select(Case::ALL.to_vec())) {
        let y = combined_map(&case_preset(case), r, 1.0).unwrap();
        prop_assert!((0.0..1.0).contains(&y));
    }

    #[test]
    fn out_of_domain_is_rejected(r in 4.0f64..10.0, x in 1.0f64..2.0) {
        let spec = case_preset(Case::II);
        prop_assert!(combined_map(&spec, r + 1e-9, 0.3).is_err());
        prop_assert!(combined_map(&spec, 2.0, x + 1e-9).is_err());
        prop_assert!(combined_map(&spec, -r, 0.3).is_err());
    }
}
