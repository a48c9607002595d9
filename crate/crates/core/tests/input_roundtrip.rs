use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zigzag::input::{parse_str, InputSpec, Options};
use zigzag::random;

fn options() -> impl Strategy<Value = Options> {
    (
        proptest::option::of(1usize..20),
        proptest::option::of(prop_oneof![Just(1e-6), Just(1e-9), Just(1e-12)]),
        proptest::option::of(1usize..5000),
        proptest::option::of(any::<u64>()),
    )
        .prop_map(|(depth, tolerance, cap, seed)| Options { depth, tolerance, cap, seed })
}

proptest! {
    #[test]
    fn graph_categories_survive_serialization(seed in any::<u64>(), two in any::<bool>(), opts in options()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = if two { random::two_graph(&mut rng) } else { random::dag(&mut rng) };
        let mut spec = InputSpec::from_category(&cat);
        spec.options = opts;
        let text = spec.to_toml();
        let back = parse_str(&text).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.finite().unwrap(), cat);
    }

    #[test]
    fn groupoid_categories_survive_serialization(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cat = random::groupoid(&mut rng).to_category();
        let back = parse_str(&InputSpec::from_category(&cat).to_toml()).unwrap();
        prop_assert_eq!(back.finite().unwrap(), cat);
    }
}

