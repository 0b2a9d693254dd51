mod common;

use proptest::prelude::*;

fn run(check: common::Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_commutes_exactly_and_reduces_back(seed in any::<u64>()) {
        run(common::prop_embedding(seed))?;
    }

    #[test]
    fn product_is_antisymmetric_bilinear_and_reduces(seed in any::<u64>()) {
        run(common::prop_product_algebra(seed))?;
    }

    #[test]
    fn elementary_ops_keep_codes_valid(seed in any::<u64>()) {
        run(common::prop_elementary_ops(seed))?;
    }

    #[test]
    fn standard_form_replays_and_keeps_span(seed in any::<u64>()) {
        run(common::prop_standard_form(seed))?;
    }

    #[test]
    fn validate_matches_brute_force_after_perturbation(seed in any::<u64>()) {
        run(common::prop_validate_perturbed(seed))?;
    }

    #[test]
    fn syndrome_minors_obey_hadamard_bound(seed in any::<u64>()) {
        run(common::prop_hadamard_minor(seed))?;
    }

    #[test]
    fn pruned_distance_matches_enumeration(seed in any::<u64>()) {
        run(common::prop_distance_oracle(seed))?;
    }

    #[test]
    fn kernel_distance_at_most_integer_distance(seed in any::<u64>()) {
        run(common::prop_dstar_bounds_distance(seed))?;
    }

    #[test]
    fn css_embedding_stays_css(seed in any::<u64>()) {
        run(common::prop_css_preserved(seed))?;
    }
}

#[test]
fn distance_at_most_dstar_on_invariant_fixtures() {
    common::check_dstar_fixtures().unwrap();
}
