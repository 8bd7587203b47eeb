#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fitstar/batch.hpp"
#include "fitstar/phs.hpp"

using namespace fitstar;

namespace {

const DecayStrategy kAdaptive[] = {
    DecayStrategy::kSigmoidLog,
    DecayStrategy::kLinear,
    DecayStrategy::kParabola,
    DecayStrategy::kBrachistochrone,
    DecayStrategy::kIterationCount,
};

DecayInputs at_xi(double xi) {
    DecayInputs in;
    in.xi = xi;
    in.iteration_budget = 100;
    // iteration-driven profile on the same axis: xi=1 is iteration 0
    in.iteration = std::lround((1.0 - xi) * 100.0);
    return in;
}

}  // namespace

TEST_CASE("strategy names round trip") {
    for (auto s : kAdaptive) CHECK(parse_strategy(strategy_name(s)) == s);
    CHECK(parse_strategy("fixed") == DecayStrategy::kFixed);
    CHECK_THROWS_AS(parse_strategy("fit-xl"), ConfigError);
}

TEST_CASE("raw ratio domain") {
    CHECK(raw_ratio(1.0, 1.0) == 1.0);
    CHECK(raw_ratio(0.7363108, 1.4726216) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(raw_ratio(0.0, 1.0), ContractViolation);
    CHECK_THROWS_AS(raw_ratio(-0.1, 1.0), ContractViolation);
    CHECK_THROWS_AS(raw_ratio(1.1, 1.0), ContractViolation);
    CHECK_THROWS_AS(raw_ratio(0.5, 0.0), ContractViolation);
}

TEST_CASE("sigmoid smoothing anchor values") {
    CHECK(sigmoid_smooth(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sigmoid_smooth(1.0) == doctest::Approx(0.99330714907571514).epsilon(1e-13));
    CHECK(sigmoid_smooth(0.0) == doctest::Approx(0.0066928509242848556).epsilon(1e-13));
}

TEST_CASE("logarithmic decay factor") {
    CHECK(decay_factor(0.0, 100.0) == 0.0);
    CHECK(decay_factor(1.0, 100.0) == 1.0);
    CHECK(decay_factor(0.99330714907571514, 100.0) ==
          doctest::Approx(0.99855937925271935).epsilon(1e-13));
    CHECK_THROWS_AS(decay_factor(0.5, 0.0), ContractViolation);
}

TEST_CASE("dimension-linked tuning parameter") {
    CHECK(tuning_parameter(199, 1, 2) == doctest::Approx(100.0));
    CHECK(tuning_parameter(199, 1, 8) == doctest::Approx(25.0));
    CHECK(tuning_parameter(2, 1, 2) == doctest::Approx(1.5));
}

TEST_CASE("batch size rounds half up and clamps") {
    CHECK(batch_size(0.0, 1, 199) == 1);
    CHECK(batch_size(1.0, 1, 199) == 199);
    CHECK(batch_size(0.99855937925271935, 1, 199) == 199);  // 1 + 197.715
    CHECK(batch_size(21.5 / 198.0, 1, 199) == 23);          // exactly 22.5 rounds up
    CHECK(batch_size(0.5, 1, 2) == 2);                      // 1.5 rounds up
    CHECK(batch_size(1.2, 1, 199) == 199);                  // clamped
    CHECK(batch_size(-0.2, 1, 199) == 1);                   // clamped
}

TEST_CASE("formula chain matches a long-double re-evaluation on random inputs") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double xi = unit(rng);
        const long double s = 1.0L / (1.0L + std::exp(-10.0L * ((long double)xi - 0.5L)));
        CHECK(sigmoid_smooth(xi) == doctest::Approx((double)s).epsilon(1e-12));

        const double lambda = 1e-3 + 200.0 * unit(rng);
        const double o = unit(rng);
        const long double d = std::log1p((long double)lambda * (long double)o) /
                              std::log1p((long double)lambda);
        CHECK(decay_factor(o, lambda) == doctest::Approx((double)d).epsilon(1e-12));

        const double vi = 1e-6 + unit(rng);
        const double vc = vi * (1e-9 + (1.0 - 1e-9) * unit(rng));
        CHECK(raw_ratio(vc, vi) ==
              doctest::Approx((double)((long double)vc / (long double)vi)).epsilon(1e-12));
    }
}

TEST_CASE("decay profiles hit the endpoints exactly") {
    const double lambda = 100.0;
    for (auto s : kAdaptive) {
        CHECK(decay_value(s, at_xi(0.0), lambda) == 0.0);
        CHECK(decay_value(s, at_xi(1.0), lambda) == 1.0);
    }
    CHECK_THROWS_AS(decay_value(DecayStrategy::kFixed, at_xi(0.5), lambda), ConfigError);
}

TEST_CASE("decay profiles are monotone in xi") {
    const double lambda = 100.0;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto s : kAdaptive) {
        for (int trial = 0; trial < 50; ++trial) {
            double prev_xi = 0.0;
            double prev_psi = decay_value(s, at_xi(0.0), lambda);
            for (int step = 0; step < 40; ++step) {
                const double xi = std::min(1.0, prev_xi + unit(rng) * 0.05);
                const double psi = decay_value(s, at_xi(xi), lambda);
                CHECK(psi >= prev_psi - 1e-12);
                prev_xi = xi;
                prev_psi = psi;
            }
        }
    }
}

TEST_CASE("known mid-curve values") {
    // the sigmoid-log profile at the midpoint: ln(51) / ln(101)
    CHECK(decay_value(DecayStrategy::kSigmoidLog, at_xi(0.5), 100.0) ==
          doctest::Approx(0.85194430316099238).epsilon(1e-12));
    CHECK(decay_value(DecayStrategy::kLinear, at_xi(0.25), 100.0) == doctest::Approx(0.25));
    CHECK(decay_value(DecayStrategy::kParabola, at_xi(0.5), 100.0) == doctest::Approx(0.25));
    CHECK(decay_value(DecayStrategy::kBrachistochrone, at_xi(0.5), 100.0) ==
          doctest::Approx(0.83680601459160741).epsilon(1e-9));
}

TEST_CASE("controller construction and pre-solution behavior") {
    BatchController ctrl(DecayStrategy::kSigmoidLog, 100, 2);
    CHECK(ctrl.m_min() == 1);
    CHECK(ctrl.m_max() == 199);
    CHECK(ctrl.lambda() == doctest::Approx(100.0));
    // adaptive strategies sample densely until a solution exists
    CHECK(ctrl.current_batch() == 199);

    BatchController fixed(DecayStrategy::kFixed, 100, 2);
    CHECK(fixed.current_batch() == 100);

    CHECK_THROWS_AS(BatchController(DecayStrategy::kLinear, 0, 2), ConfigError);
    CHECK_THROWS_AS(BatchController(DecayStrategy::kLinear, 100, 1), ConfigError);

    // infinite cost: the null branch leaves everything untouched
    const auto volume = [](double) { return 1.0; };
    CHECK_FALSE(ctrl.on_cost_update(kInf, volume).has_value());
    CHECK(ctrl.current_batch() == 199);
    CHECK_FALSE(ctrl.has_initial_volume());
}

TEST_CASE("controller chains ratio, decay, and batch size") {
    const State start{0.0, 0.0}, goal{1.0, 0.0};
    const auto volume = [&](double c) { return phs_measure(phs_from_solution(start, goal, c)); };

    BatchController ctrl(DecayStrategy::kSigmoidLog, 100, 2);
    // first solution: xi = 1, the raw sigmoid-log chain stays at the top
    CHECK_FALSE(ctrl.on_cost_update(2.0, volume).has_value());  // 199 -> 199: no change
    CHECK(ctrl.current_batch() == 199);
    CHECK(ctrl.has_initial_volume());
    const double v0 = ctrl.initial_volume();

    // same cost again: idempotent
    CHECK_FALSE(ctrl.on_cost_update(2.0, volume).has_value());
    CHECK(ctrl.initial_volume() == v0);

    // a cost increase violates the anytime contract
    CHECK_THROWS_AS(ctrl.on_cost_update(2.5, volume), ContractViolation);

    // near-optimal: the raw chain saturates at its floor of 23
    const auto small = ctrl.on_cost_update(1.0 + 1e-9, volume);
    REQUIRE(small.has_value());
    CHECK(*small == 23);
    CHECK(ctrl.current_batch() == 23);
    CHECK(ctrl.current_volume() <= ctrl.initial_volume());
}

TEST_CASE("controller batch is monotone along an improving cost sequence") {
    const State start{0.0, 0.0}, goal{1.0, 0.0};
    const auto volume = [&](double c) { return phs_measure(phs_from_solution(start, goal, c)); };
    for (auto s : kAdaptive) {
        BatchController ctrl(s, 100, 2);
        int prev = ctrl.m_max();
        for (double c : {1.9, 1.7, 1.5, 1.3, 1.2, 1.1, 1.05, 1.01, 1.001}) {
            ctrl.advance_iteration();
            ctrl.on_cost_update(c, volume);
            CHECK(ctrl.current_batch() <= prev);
            CHECK(ctrl.current_batch() >= ctrl.m_min());
            prev = ctrl.current_batch();
        }
    }
}

TEST_CASE("fixed strategy never reacts") {
    BatchController ctrl(DecayStrategy::kFixed, 100, 2);
    const auto volume = [](double) { return 0.5; };
    CHECK_FALSE(ctrl.on_cost_update(1.0, volume).has_value());
    CHECK_FALSE(ctrl.on_cost_update(0.5, volume).has_value());
    CHECK(ctrl.current_batch() == 100);
}
