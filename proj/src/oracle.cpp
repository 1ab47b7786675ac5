#include "strfp/oracle.hpp"

#include "strfp/parallel.hpp"

namespace strfp {

std::uint64_t match_oracle::total_matches() const {
    std::uint64_t total = 0;
    for (const auto& set : matches) {
        total += set.size();
    }
    return total;
}

match_oracle build_oracle(const corpus& corp, std::span<const std::string> queries) {
    match_oracle oracle;
    oracle.matches.resize(queries.size());
    parallel_for(queries.size(), [&](std::size_t qi) {
        const std::string& q = queries[qi];
        auto& hits = oracle.matches[qi];
        for (std::uint32_t wi = 0; wi < corp.words.size(); ++wi) {
            if (corp.words[wi].find(q) != std::string::npos) {
                hits.push_back(wi);
            }
        }
    });
    return oracle;
}

} // namespace strfp
