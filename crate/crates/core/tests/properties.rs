use nuchern_core::properties::{catalogue, run, run_property};
use proptest::prelude::*;

fn holds(name: &str, seed: u64) -> bool {
    let (_, property) = catalogue().into_iter().find(|(n, _)| *n == name).expect("known property");
    run_property(name, property, 1, seed).expect("trial runs").passed()
}

macro_rules! property_tests {
    ($($test:ident => $name:literal),* $(,)?) => {
        proptest! {
            #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]
            $(
                #[test]
                fn $test(seed in any::<u64>()) {
                    prop_assert!(holds($name, seed));
                }
            )*
        }
    };
}

property_tests! {
    supercommutativity => "supercommutativity",
    associativity => "associativity",
    distributivity => "distributivity",
    nu0_is_central_involution => "nu0-central",
    invert_is_two_sided => "invert",
    nu_squares_to_identity => "nu-involution",
    substitute_is_a_ring_morphism => "substitute-morphism",
    eval_is_a_ring_morphism => "eval-morphism",
    d_squares_to_zero => "d-squared",
    leibniz_rule => "leibniz",
    double_swap_is_identity => "double-swap",
    truncation_is_sound => "truncation-soundness",
    inverse_reverses_products => "supermatrix-inverse",
    berezinian_of_inverse => "berezinian-inverse",
    berezinian_block_formulas_agree => "berezinian-blocks",
    supertrace_kills_commutators => "supertrace-commutator",
    supertrace_swap_sign => "supertrace-swap",
}

#[test]
fn report_is_deterministic() {
    let a = run(5, 11).unwrap();
    let b = run(5, 11).unwrap();
    assert!(a.passed());
    assert_eq!(a.checks.len(), catalogue().len());
    assert_eq!(format!("{:?}", a.checks), format!("{:?}", b.checks));
}
