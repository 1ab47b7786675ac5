#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "strfp/corpus.hpp"

namespace strfp {

// Ground truth for substring containment: for each query, the ascending set
// of corpus indices whose word contains it. The empty pattern is contained
// everywhere.
struct match_oracle {
    std::vector<std::vector<std::uint32_t>> matches; // aligned with the query list

    std::uint64_t total_matches() const;
};

match_oracle build_oracle(const corpus& corp, std::span<const std::string> queries);

} // namespace strfp
