#pragma once

// Battery allocation across a network of stations.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tropbscs::network {

struct NetworkStation {
    double a;  // mean interarrival time
    double b;  // swap time
    double c;  // charge time
    double r;  // income per swap

    void validate() const;
    /// w = r / (b + c), the per-pack income weight.
    [[nodiscard]] double weight() const noexcept { return r / (b + c); }
};

struct AllocationPlan {
    std::vector<std::size_t> counts;
    double total_income_rate = 0.0;
    std::optional<std::string> warning;
};

/// r / max(a, b, (b+c)/m), income per unit time with m packs.
double income_rate(const NetworkStation& st, std::size_t m);

/// floor((b+c) / max(a, b)), at least 1.
std::size_t threshold(const NetworkStation& st);

/// Σ income_rate(st_i, m_i), summed in station order.
double total_income_rate(std::span<const NetworkStation> stations,
                         std::span<const std::size_t> counts);

/// Proportional-to-weight allocation followed by redistribution of packs from
/// stations above their threshold to the highest-weight station still below
/// its own. Throws InfeasibleError when M < N.
AllocationPlan allocate_heuristic(std::span<const NetworkStation> stations, std::size_t fleet);

/// Exhaustive search over all compositions of M into N positive parts.
/// Throws TooLargeError beyond kMaxCompositions candidates.
AllocationPlan allocate_bruteforce(std::span<const NetworkStation> stations, std::size_t fleet);

inline constexpr double kMaxCompositions = 1e7;

/// C(M-1, N-1) as a double.
double composition_count(std::size_t fleet, std::size_t stations);

}  // namespace tropbscs::network
