//! Runs every property suite at full size with pinned seeds. Each suite
//! checks at least 200 randomized cases; the reports panic on the first
//! recorded violation with a replayable case index.

use eirep_testkit::suites;

const CASES: usize = 200;

#[test]
fn orbit_order_identity_holds_on_random_bisets() {
    suites::orbit_order_identity(0x5EED_0001, CASES).assert_clean(CASES);
}

#[test]
fn frobenius_reciprocity_dimension_identity() {
    suites::frobenius_reciprocity(0x5EED_0002, CASES).assert_clean(CASES);
}

#[test]
fn permutation_module_endomorphism_dimension_counts_double_cosets() {
    suites::permutation_endomorphisms(0x5EED_0003, CASES).assert_clean(CASES);
}

#[test]
fn composition_factors_are_invariant_under_conjugation() {
    suites::composition_factor_invariance(0x5EED_0004, CASES).assert_clean(CASES);
}

#[test]
fn induction_then_restriction_is_the_identity_on_full_subcategories() {
    suites::induce_restrict_roundtrip(0x5EED_0005, CASES).assert_clean(CASES);
}

#[test]
fn ordinary_quiver_is_representative_independent() {
    suites::quiver_representative_independence(0x5EED_0006, CASES).assert_clean(CASES);
}

#[test]
fn decide_agrees_with_its_symmetrized_form() {
    suites::decider_symmetrization(0x5EED_0007, CASES).assert_clean(CASES);
}

#[test]
fn no_finite_infinite_contradiction_across_the_corpus() {
    suites::corpus_no_contradiction(0x5EED_0008, CASES).assert_clean(CASES);
}

#[test]
fn induction_fastpath_matches_generic_induction() {
    suites::fastpath_matches_generic(0x5EED_0009, CASES).assert_clean(CASES);
}
