#include <gtest/gtest.h>

#include "stda/empirical.hpp"

using namespace stda;

namespace {

GeneratingPolynomial phi_of(const std::string& text, int p) {
    return GeneratingPolynomial(parse_laurent(text, FieldPrime(p)));
}

Substitution running_example() {
    return Substitution{FieldPrime(3), 3, 3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}}, {0, 1, 2}};
}

Substitution thue_morse_subst() {
    return Substitution{FieldPrime(2), 2, 2, {{0, 1}, {1, 0}}, {0, 1}};
}

} // namespace

TEST(Empirical, ConstantZeroGridHasOneState) {
    SpacetimeGrid zero(FieldPrime(3), -200, 200, -200, 200);
    GridOracle oracle(std::move(zero));
    EmpiricalOptions opt;
    opt.verify_radius = 50;
    EmpiricalResult res = empirical_kernel(oracle, {AxisBase::Neg, AxisBase::Neg}, opt);
    EXPECT_TRUE(res.verified);
    EXPECT_EQ(res.automaton.state_count(), 1);
    EXPECT_EQ(res.automaton.output(0), 0);
}

TEST(Empirical, ForwardOracleMatchesGrid) {
    GeneratingPolynomial phi = phi_of("x + 1", 3);
    InitialConditionSpec spec;
    spec.p = 3;
    spec.right = SequenceSpec::substitution(running_example(), 0);
    ForwardOracle oracle(phi, spec, 3000, 100000);
    SpacetimeGrid g = generate_grid(phi, spec, -50, 400, 0, 300);
    for (long long n = 0; n <= 300; n += 7) {
        for (long long m = -50; m <= 400; m += 3) {
            ASSERT_EQ(oracle.at(m, n), g.at(m, n)) << m << "," << n;
        }
    }
}

TEST(Empirical, RunningExampleMatchesExactEngine) {
    GeneratingPolynomial phi = phi_of("x + 1", 3);
    InitialConditionSpec spec;
    spec.p = 3;
    spec.right = SequenceSpec::substitution(running_example(), 0);

    ForwardOracle oracle(phi, spec, 600000, 600000);
    EmpiricalOptions opt;
    opt.id_radius = 6;
    opt.min_overlap = 2;
    opt.max_depth = 11;
    opt.max_states = 4096;
    opt.verify_radius = 100;
    EmpiricalResult res = empirical_kernel(oracle, {AxisBase::Neg, AxisBase::Pos}, opt);
    EXPECT_TRUE(res.verified);

    DiagramSynthesizer synth(phi, subst_to_dfao(running_example(), 0), std::nullopt,
                             Alignment::Reflect);
    Dfao exact = synth.build_negp().automaton;
    EXPECT_EQ(res.automaton.state_count(), exact.state_count());
    EXPECT_TRUE(iso_check(res.automaton, exact).isomorphic);
}

TEST(Empirical, LedrappierZxzVerifiedAutomaton) {
    GeneratingPolynomial phi = phi_of("1 + x^-1", 2);
    InitialConditionSpec spec;
    spec.p = 2;
    spec.alignment = Alignment::Reflect;
    spec.right = SequenceSpec::substitution(thue_morse_subst(), 0);
    spec.left = SequenceSpec::substitution(thue_morse_subst(), 0);
    spec.columns[0] = SequenceSpec::substitution(thue_morse_subst(), 0);

    ZxzOracle oracle(phi, spec, 400000, 4000, 4000);
    EmpiricalOptions opt;
    opt.id_radius = 6;
    opt.min_overlap = 2;
    opt.max_depth = 12;
    opt.max_states = 8192;
    opt.verify_radius = 121; // covers a 243-sized square window
    EmpiricalResult res = empirical_kernel(oracle, {AxisBase::Neg, AxisBase::Neg}, opt);
    EXPECT_TRUE(res.verified);
    EXPECT_GT(res.verified_points, 40000);
    EXPECT_GT(res.automaton.state_count(), 1);
}

TEST(Empirical, BudgetFailuresAreLoud) {
    SpacetimeGrid tiny(FieldPrime(2), -3, 3, -3, 3);
    GridOracle oracle(std::move(tiny));
    EmpiricalOptions opt;
    opt.min_overlap = 2;
    opt.max_depth = 6;
    // The minimum overlap square leaves a 7x7 grid after one step.
    EXPECT_THROW(empirical_kernel(oracle, {AxisBase::Neg, AxisBase::Neg}, opt), BudgetError);
}
