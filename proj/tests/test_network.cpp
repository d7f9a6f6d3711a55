#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "oracles.hpp"
#include "tropbscs/network.hpp"

using namespace tropbscs;
using namespace tropbscs::network;

namespace {
const NetworkStation kFig{25, 5, 100, 1};

NetworkStation random_station(oracle::Gen& gen) {
    return {gen.grid(0, 40), gen.grid(0.5, 20), gen.grid(0.5, 150), gen.grid(0, 5)};
}

// Every positive composition of `fleet`, evaluated independently of the
// library's enumeration.
double best_objective(const std::vector<NetworkStation>& st, std::size_t fleet) {
    double best = -1;
    std::vector<std::size_t> m(st.size(), 1);
    auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == st.size()) {
            m[i] = left;
            double v = 0;
            for (std::size_t j = 0; j < st.size(); ++j)
                v += st[j].r / std::max({st[j].a, st[j].b, (st[j].b + st[j].c) / double(m[j])});
            best = std::max(best, v);
            return;
        }
        for (std::size_t v = 1; v + (st.size() - 1 - i) <= left; ++v) {
            m[i] = v;
            self(self, i + 1, left - v);
        }
    };
    rec(rec, 0, fleet);
    return best;
}
}  // namespace

TEST_CASE("income_rate") {
    CHECK(income_rate(kFig, 4) == doctest::Approx(1 / 26.25));
    CHECK(income_rate(kFig, 1000) == doctest::Approx(1.0 / 25));
    CHECK(income_rate({0, 1, 1, 2}, 1) == 1);
    CHECK_THROWS_AS(income_rate(kFig, 0), PreconditionError);
}

TEST_CASE("threshold") {
    CHECK(threshold(kFig) == 4);
    CHECK(threshold({0, 5, 100, 1}) == 21);
    CHECK(threshold({200, 5, 100, 1}) == 1);
}

TEST_CASE("stations are validated") {
    CHECK_THROWS_AS(NetworkStation({-1, 5, 100, 1}).validate(), PreconditionError);
    CHECK_THROWS_AS(NetworkStation({1, 0, 100, 1}).validate(), PreconditionError);
    CHECK_THROWS_AS(NetworkStation({1, 5, 0, 1}).validate(), PreconditionError);
    CHECK_THROWS_AS(NetworkStation({1, 5, 100, -1}).validate(), PreconditionError);
    CHECK(kFig.weight() == doctest::Approx(1.0 / 105));
}

TEST_CASE("income_rate grows until the threshold and then stays flat") {
    oracle::Gen gen(41);
    for (int trial = 0; trial < 500; ++trial) {
        const NetworkStation st = random_station(gen);
        const std::size_t th = threshold(st);
        const double ratio = (st.b + st.c) / std::max(st.a, st.b);
        // saturation sets in at ceil(ratio), which is th or th + 1
        const std::size_t flat_from = ratio == std::floor(ratio) ? std::max<std::size_t>(th, 1) : th + 1;
        double prev = income_rate(st, 1);
        for (std::size_t m = 2; m <= th + 30; ++m) {
            const double v = income_rate(st, m);
            REQUIRE(v >= prev);
            if (m > flat_from) REQUIRE(v == prev);
            prev = v;
        }
        REQUIRE(income_rate(st, flat_from) == doctest::Approx(st.r / std::max(st.a, st.b)));
    }
}

TEST_CASE("total_income_rate") {
    const NetworkStation st[] = {kFig, {30, 5, 100, 2}};
    const std::size_t counts[] = {4, 2};
    CHECK(total_income_rate(st, counts) == doctest::Approx(1 / 26.25 + 2 / 52.5));
    const std::size_t short_counts[] = {4};
    CHECK_THROWS_AS(total_income_rate(st, short_counts), DimensionError);
}

TEST_CASE("heuristic examples") {
    const NetworkStation one[] = {kFig};
    const AllocationPlan single = allocate_heuristic(one, 6);
    CHECK(single.counts == std::vector<std::size_t>{6});
    CHECK(single.total_income_rate == doctest::Approx(1.0 / 25));
    CHECK(single.warning.has_value());

    const AllocationPlan fits = allocate_heuristic(one, 4);
    CHECK(fits.counts == std::vector<std::size_t>{4});
    CHECK_FALSE(fits.warning.has_value());

    const NetworkStation pair[] = {kFig, kFig};
    for (std::size_t fleet : {2u, 4u, 6u, 8u}) {
        const AllocationPlan p = allocate_heuristic(pair, fleet);
        CHECK(p.counts == std::vector<std::size_t>{fleet / 2, fleet / 2});
    }
    CHECK_THROWS_AS(allocate_heuristic(pair, 1), InfeasibleError);
    CHECK_THROWS_AS(allocate_heuristic({}, 3), InfeasibleError);
}

TEST_CASE("heuristic redistributes surplus to the heaviest open station") {
    // weights 1/105, 3/105, 2/105; the middle station saturates at 2
    const NetworkStation st[] = {{25, 5, 100, 1}, {50, 5, 100, 3}, {25, 5, 100, 2}};
    const AllocationPlan p = allocate_heuristic(st, 9);
    CHECK(std::accumulate(p.counts.begin(), p.counts.end(), std::size_t{0}) == 9);
    CHECK(p.counts[1] == 2);
    CHECK(p.counts == std::vector<std::size_t>{3, 2, 4});
    CHECK_FALSE(p.warning.has_value());
}

TEST_CASE("heuristic plans satisfy the fleet constraint") {
    oracle::Gen gen(42);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<NetworkStation> st(gen.index(1, 6));
        for (auto& s : st) s = random_station(gen);
        const std::size_t fleet = gen.index(st.size(), 40);
        const AllocationPlan p = allocate_heuristic(st, fleet);
        REQUIRE(p.counts.size() == st.size());
        REQUIRE(std::accumulate(p.counts.begin(), p.counts.end(), std::size_t{0}) == fleet);
        for (std::size_t i = 0; i < st.size(); ++i) {
            REQUIRE(p.counts[i] >= 1);
            if (!p.warning) REQUIRE(p.counts[i] <= threshold(st[i]));
        }
        double total = 0;
        for (std::size_t i = 0; i < st.size(); ++i) total += income_rate(st[i], p.counts[i]);
        REQUIRE(p.total_income_rate == doctest::Approx(total).epsilon(1e-12));
        if (p.warning) {
            // every station that can still take a pack is at its limit
            for (std::size_t i = 0; i < st.size(); ++i) REQUIRE(p.counts[i] >= threshold(st[i]));
        }
    }
}

TEST_CASE("brute force examples") {
    const NetworkStation one[] = {kFig};
    CHECK(allocate_bruteforce(one, 7).counts == std::vector<std::size_t>{7});

    const NetworkStation pair[] = {{50, 5, 95, 1}, {50, 5, 95, 1}};
    CHECK(allocate_bruteforce(pair, 4).counts == std::vector<std::size_t>{2, 2});

    // (1,3), (2,2) and (3,1) tie exactly; the lexicographically first wins
    const NetworkStation tie[] = {{50, 5, 95, 1}, {50, 5, 95, 1}};
    CHECK(allocate_bruteforce(tie, 3).counts == std::vector<std::size_t>{1, 2});

    CHECK_THROWS_AS(allocate_bruteforce(pair, 1), InfeasibleError);
    const NetworkStation four[] = {kFig, kFig, kFig, kFig};
    CHECK(composition_count(1000, 4) > kMaxCompositions);
    CHECK_THROWS_AS(allocate_bruteforce(four, 1000), TooLargeError);
    CHECK(composition_count(12, 3) == 55);
    CHECK(composition_count(2, 3) == 0);
}

TEST_CASE("brute force finds the optimum and dominates the heuristic") {
    oracle::Gen gen(43);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<NetworkStation> st(gen.index(1, 4));
        for (auto& s : st) s = random_station(gen);
        const std::size_t fleet = gen.index(st.size(), 14);
        const AllocationPlan brute = allocate_bruteforce(st, fleet);
        const AllocationPlan heur = allocate_heuristic(st, fleet);
        REQUIRE(std::accumulate(brute.counts.begin(), brute.counts.end(), std::size_t{0}) == fleet);
        REQUIRE(brute.total_income_rate == doctest::Approx(best_objective(st, fleet)).epsilon(1e-12));
        REQUIRE(brute.total_income_rate >= heur.total_income_rate);
    }
}
