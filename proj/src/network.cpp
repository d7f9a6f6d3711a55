#include "tropbscs/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tropbscs/errors.hpp"

namespace tropbscs::network {

namespace {

void check_instance(std::span<const NetworkStation> stations, std::size_t fleet) {
    if (stations.empty()) throw InfeasibleError("network has no stations");
    for (const auto& st : stations) st.validate();
    if (fleet < stations.size()) {
        throw InfeasibleError("fleet size " + std::to_string(fleet) + " is below station count " +
                              std::to_string(stations.size()));
    }
}

AllocationPlan make_plan(std::span<const NetworkStation> stations, std::vector<std::size_t> counts) {
    AllocationPlan plan;
    plan.total_income_rate = total_income_rate(stations, counts);
    plan.counts = std::move(counts);
    return plan;
}

}  // namespace

void NetworkStation::validate() const {
    if (!(a >= 0.0) || !std::isfinite(a)) throw PreconditionError("station a must be >= 0");
    if (!(b > 0.0) || !std::isfinite(b)) throw PreconditionError("station b must be > 0");
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("station c must be > 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionError("station r must be >= 0");
}

double income_rate(const NetworkStation& st, std::size_t m) {
    if (m < 1) throw PreconditionError("income_rate needs m >= 1");
    return st.r / std::max({st.a, st.b, (st.b + st.c) / static_cast<double>(m)});
}

std::size_t threshold(const NetworkStation& st) {
    const double ratio = (st.b + st.c) / std::max(st.a, st.b);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(ratio)));
}

double total_income_rate(std::span<const NetworkStation> stations,
                         std::span<const std::size_t> counts) {
    if (stations.size() != counts.size()) throw DimensionError("counts and stations differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < stations.size(); ++i) total += income_rate(stations[i], counts[i]);
    return total;
}

AllocationPlan allocate_heuristic(std::span<const NetworkStation> stations, std::size_t fleet) {
    check_instance(stations, fleet);
    const std::size_t n = stations.size();

    double weight_sum = 0.0;
    for (const auto& st : stations) weight_sum += st.weight();
    std::vector<double> quota(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double share = weight_sum > 0.0 ? stations[i].weight() / weight_sum
                                              : 1.0 / static_cast<double>(n);
        quota[i] = static_cast<double>(fleet) * share;
    }

    std::vector<std::size_t> m(n);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(quota[i])));
        assigned += m[i];
    }
    // Largest-remainder repair toward Σ m_i = M; ties go to the lowest index.
    while (assigned < fleet) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (quota[i] - static_cast<double>(m[i]) > quota[best] - static_cast<double>(m[best])) best = i;
        }
        ++m[best];
        ++assigned;
    }
    while (assigned > fleet) {
        std::size_t worst = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i] <= 1) continue;
            if (worst == n || quota[i] - static_cast<double>(m[i]) <
                                  quota[worst] - static_cast<double>(m[worst])) {
                worst = i;
            }
        }
        --m[worst];
        --assigned;
    }

    std::vector<std::size_t> limit(n);
    for (std::size_t i = 0; i < n; ++i) limit[i] = threshold(stations[i]);

    bool stuck = false;
    for (;;) {
        std::size_t donor = n;
        for (std::size_t i = 0; i < n && donor == n; ++i)
            if (m[i] > limit[i]) donor = i;
        if (donor == n) break;

        std::size_t receiver = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (m[j] + 1 > limit[j]) continue;
            if (receiver == n || stations[j].weight() > stations[receiver].weight()) receiver = j;
        }
        if (receiver == n) {
            stuck = true;
            break;
        }
        --m[donor];
        ++m[receiver];
    }

    AllocationPlan plan = make_plan(stations, std::move(m));
    if (stuck) {
        plan.warning = "fleet exceeds the combined station thresholds; surplus packs left in place";
    }
    return plan;
}

double composition_count(std::size_t fleet, std::size_t stations) {
    if (stations == 0 || fleet < stations) return 0.0;
    // C(M-1, N-1)
    const std::size_t top = fleet - 1;
    const std::size_t k = std::min(stations - 1, top - (stations - 1));
    double count = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        count = count * static_cast<double>(top - k + i) / static_cast<double>(i);
    }
    return std::round(count);
}

AllocationPlan allocate_bruteforce(std::span<const NetworkStation> stations, std::size_t fleet) {
    check_instance(stations, fleet);
    const std::size_t n = stations.size();
    if (composition_count(fleet, n) > kMaxCompositions) {
        throw TooLargeError("exhaustive allocation search exceeds 1e7 candidates");
    }

    // Lexicographic enumeration of positive compositions; the first maximum wins.
    std::vector<std::size_t> cur(n);
    std::vector<std::size_t> best;
    double best_value = 0.0;
    auto visit = [&](auto&& self, std::size_t idx, std::size_t remaining) -> void {
        if (idx + 1 == n) {
            cur[idx] = remaining;
            const double v = total_income_rate(stations, cur);
            if (best.empty() || v > best_value) {
                best_value = v;
                best = cur;
            }
            return;
        }
        const std::size_t slots_after = n - 1 - idx;
        for (std::size_t v = 1; v + slots_after <= remaining; ++v) {
            cur[idx] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    visit(visit, 0, fleet);
    return make_plan(stations, std::move(best));
}

}  // namespace tropbscs::network
