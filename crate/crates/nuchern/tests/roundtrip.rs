use nuchern::{parse_element, parse_element_matrix, parse_form};
use nuchern_core::expr::{write_element, write_form, write_matrix};
use nuchern_core::sample::Alphabet;
use nuchern_core::Dims;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn element_text_round_trips(seed in any::<u64>()) {
        let a = Alphabet::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = a.any_element(&mut rng).unwrap();
        let text = write_element(&a.reg, &x);
        prop_assert_eq!(parse_element(&a.reg, &text).unwrap(), x);
    }

    #[test]
    fn inverse_text_round_trips(seed in any::<u64>()) {
        let a = Alphabet::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = a.invertible(&mut rng).unwrap().invert().unwrap();
        let text = write_element(&a.reg, &x);
        prop_assert_eq!(parse_element(&a.reg, &text).unwrap(), x);
    }

    #[test]
    fn form_text_round_trips(seed in any::<u64>()) {
        let a = Alphabet::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = a.form(&mut rng, 3).unwrap();
        let text = write_form(&a.reg, &f);
        prop_assert_eq!(parse_form(&a.reg, &text).unwrap(), f);
    }

    #[test]
    fn matrix_text_round_trips(seed in any::<u64>()) {
        let a = Alphabet::new().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = a.supermatrix(&mut rng, Dims::new(2, 1)).unwrap();
        let text = write_matrix(&m, |g| write_element(&a.reg, g));
        prop_assert_eq!(parse_element_matrix(&a.reg, &text).unwrap(), m);
    }
}
