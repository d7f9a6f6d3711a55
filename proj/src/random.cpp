#include "tropbscs/random.hpp"

namespace tropbscs {

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t replication) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication),
                      static_cast<std::uint32_t>(replication >> 32)};
    engine_.seed(seq);
}

}  // namespace tropbscs
