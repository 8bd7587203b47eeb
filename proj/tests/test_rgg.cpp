#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "fitstar/rgg.hpp"
#include "fitstar/sampling.hpp"

using namespace fitstar;

namespace {

SampleSet random_set(int extra, Rng& rng, std::size_t n = 2) {
    Bounds b;
    b.lower.assign(n, 0.0);
    b.upper.assign(n, 1.0);
    SampleSet set(State(n, 0.1), {State(n, 0.9)});
    for (int i = 0; i < extra; ++i) set.add(sample_uniform(b, rng));
    return set;
}

std::vector<std::size_t> brute_neighbors(const SampleSet& set, std::size_t idx, double r) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < set.size(); ++j) {
        if (j == idx || !set.alive(j)) continue;
        if (distance(set.state(idx), set.state(j)) <= r) out.push_back(j);
    }
    return out;
}

}  // namespace

TEST_CASE("rgg radius frozen values") {
    // direct evaluation of the shrinking-radius formula at double precision
    CHECK(rgg_radius(100, 1.0, 2, 1.1) ==
          doctest::Approx(0.23067536599872656).epsilon(1e-13));
    // informed measure equal to the unit-disk area: the measure ratio cancels
    CHECK(rgg_radius(100, 3.14159265358979324, 2, 1.1) ==
          doctest::Approx(0.40886144077348223).epsilon(1e-13));

    // same formula re-evaluated independently in long double
    const long double term = 2.0L * 1.5L * (1.0L / 3.14159265358979323846L) *
                             (std::log(100.0L) / 100.0L);
    CHECK(rgg_radius(100, 1.0, 2, 1.1) ==
          doctest::Approx(static_cast<double>(1.1L * std::sqrt(term))).epsilon(1e-14));
}

TEST_CASE("rgg radius contracts and guards") {
    CHECK(rgg_radius(1000000, 1.0, 2, 1.1) < rgg_radius(1000, 1.0, 2, 1.1));
    CHECK(rgg_radius(1000, 1.0, 2, 1.1) < rgg_radius(10, 1.0, 2, 1.1));
    CHECK(rgg_radius(100, 2.0, 3, 1.1) > rgg_radius(100, 1.0, 3, 1.1));

    CHECK_THROWS_AS(rgg_radius(1, 1.0, 2, 1.1), ContractViolation);
    CHECK_THROWS_AS(rgg_radius(100, 1.0, 2, 1.0), ContractViolation);
    CHECK_THROWS_AS(rgg_radius(100, 0.0, 2, 1.1), ContractViolation);
    CHECK_THROWS_AS(rgg_radius(100, 1.0, 1, 1.1), ContractViolation);
}

TEST_CASE("sample set indexing and terminals") {
    SampleSet set({0.1, 0.1}, {{0.9, 0.9}, {0.9, 0.1}});
    CHECK(set.size() == 3);
    CHECK(set.start_index() == 0);
    CHECK(set.goal_count() == 2);
    CHECK(set.is_goal(1));
    CHECK(set.is_goal(2));
    CHECK_FALSE(set.is_goal(0));
    CHECK(set.is_terminal(0));

    const auto idx = set.add({0.5, 0.5});
    CHECK(idx == 3);
    CHECK(set.alive(idx));
    CHECK(set.alive_count() == 4);

    // focal geometry uses the nearest goal
    CHECK(set.cost_to_come_lb(3) == doctest::Approx(distance({0.1, 0.1}, {0.5, 0.5})));
    CHECK(set.cost_to_go_lb(3) ==
          doctest::Approx(std::min(distance({0.5, 0.5}, {0.9, 0.9}),
                                   distance({0.5, 0.5}, {0.9, 0.1}))));
    CHECK(set.focal_sum(3) == doctest::Approx(set.cost_to_come_lb(3) + set.cost_to_go_lb(3)));

    CHECK_THROWS_AS(SampleSet({0.1, 0.1}, {}), ContractViolation);
    CHECK_THROWS_AS(set.add({0.5}), ContractViolation);
}

TEST_CASE("neighbors: boundary convention and tiny sets") {
    SampleSet set({0.0, 0.0}, {{0.3, 0.0}});
    // exactly at distance r: closed-ball convention includes it
    CHECK(set.neighbors(0, 0.3) == std::vector<std::size_t>{1});
    CHECK(set.neighbors(1, 0.3) == std::vector<std::size_t>{0});
    CHECK(set.neighbors(0, 0.2999999).empty());

    SampleSet lone({0.0, 0.0}, {{5.0, 0.0}});  // goal outside any test radius
    CHECK(lone.neighbors(0, 1.0).empty());
}

TEST_CASE("neighbors equal the brute-force scan (brute-force regime)") {
    Rng rng(123);
    auto set = random_set(200, rng);
    for (double r : {0.05, 0.3, 0.9}) {
        for (std::size_t i = 0; i < set.size(); i += 7) {
            CHECK(set.neighbors(i, r) == brute_neighbors(set, i, r));
        }
    }
    // symmetry spot check
    const auto n0 = set.neighbors(0, 0.3);
    for (auto j : n0) {
        const auto nj = set.neighbors(j, 0.3);
        CHECK(std::find(nj.begin(), nj.end(), 0u) != nj.end());
    }
}

TEST_CASE("neighbors equal the brute-force scan (grid regime)") {
    Rng rng(321);
    auto set = random_set(2500, rng);  // beyond the brute-force cutoff
    REQUIRE(set.alive_count() > 2000);
    for (double r : {0.02, 0.11}) {
        for (std::size_t i = 0; i < set.size(); i += 101) {
            CHECK(set.neighbors(i, r) == brute_neighbors(set, i, r));
        }
    }
    // pruning invalidates the index; answers must still match
    set.prune_outside(1.2);
    for (std::size_t i = 0; i < set.size(); i += 101) {
        if (!set.alive(i)) continue;
        CHECK(set.neighbors(i, 0.11) == brute_neighbors(set, i, 0.11));
    }
}

TEST_CASE("neighbors equal the brute-force scan (high-dimension scan fallback)") {
    Rng rng(77);
    auto set = random_set(2200, rng, 8);
    REQUIRE(set.alive_count() > 2000);
    for (std::size_t i = 0; i < set.size(); i += 211) {
        CHECK(set.neighbors(i, 0.6) == brute_neighbors(set, i, 0.6));
    }
}

TEST_CASE("prune matches the focal-sum oracle and spares terminals") {
    Rng rng(55);
    SampleSet set({0.2, 0.5}, {{0.8, 0.5}});
    Bounds b;
    b.lower = {0.0, 0.0};
    b.upper = {1.0, 1.0};
    for (int i = 0; i < 100; ++i) set.add(sample_uniform(b, rng));

    std::size_t expected = 0;
    for (std::size_t i = 2; i < set.size(); ++i) {
        if (set.focal_sum(i) > 0.7) ++expected;
    }

    const ProlateHyperspheroid phs({0.2, 0.5}, {0.8, 0.5}, 0.7);
    CHECK(prune(set, phs) == expected);
    CHECK(set.alive(0));
    CHECK(set.alive(1));
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set.alive(i) && !set.is_terminal(i)) CHECK(set.focal_sum(i) <= 0.7);
    }
    // repeat prune at the same cost: nothing newly outside
    CHECK(set.prune_outside(0.7) == 0);
}

TEST_CASE("informed count tracks the focal threshold") {
    SampleSet set({0.2, 0.5}, {{0.8, 0.5}});
    set.add({0.5, 0.5});   // focal 0.6
    set.add({0.5, 0.9});   // focal = 2 * sqrt(0.09 + 0.16) = 1.0
    CHECK(set.informed_count(kInf) == 4);
    CHECK(set.informed_count(0.99) == 3);
    CHECK(set.informed_count(1.0) == 4);  // inclusive threshold
    set.prune_outside(0.61);
    CHECK(set.informed_count(kInf) == 3);
    CHECK(set.alive_count() == 3);
}
