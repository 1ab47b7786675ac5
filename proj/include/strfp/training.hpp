#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strfp/corpus.hpp"
#include "strfp/oracle.hpp"
#include "strfp/partition.hpp"

namespace strfp {

// A training sample, the query patterns to optimize for, and the enumeration
// of negative (query, word) pairs: every pair where the word does not contain
// the query. Those pairs are exactly where a partition can be wrong.
struct training_instance {
    corpus words;
    std::vector<std::string> queries;
    match_oracle oracle; // restricted to the training words
    std::vector<std::pair<std::uint32_t, std::uint32_t>> negative_pairs; // (query, word)
    int width = 0;

    // Distinct bytes per string, ascending; filled at build time so objective
    // evaluation does not rescan the strings.
    std::vector<std::vector<std::uint8_t>> word_bytes;
    std::vector<std::vector<std::uint8_t>> query_bytes;
};

training_instance make_training_instance(corpus words, std::vector<std::string> queries,
                                         int width);

struct objective_result {
    std::int64_t correct = 0;         // negative pairs the partition classifies right
    std::int64_t total_negatives = 0; // all negative pairs

    double false_positive_rate() const {
        if (total_negatives == 0) {
            return 0.0;
        }
        return 1.0 - static_cast<double>(correct) / static_cast<double>(total_negatives);
    }
};

// Counts the negative pairs whose query fingerprint is not a subset of the
// word fingerprint under the given partition.
objective_result objective(const partition& part, const training_instance& inst);

} // namespace strfp
