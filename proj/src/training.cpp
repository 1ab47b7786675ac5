#include "strfp/training.hpp"

#include <algorithm>

namespace strfp {

namespace {

std::vector<std::uint8_t> distinct_bytes(const std::string& s) {
    std::vector<std::uint8_t> bytes(s.begin(), s.end());
    std::sort(bytes.begin(), bytes.end());
    bytes.erase(std::unique(bytes.begin(), bytes.end()), bytes.end());
    return bytes;
}

} // namespace

training_instance make_training_instance(corpus words, std::vector<std::string> queries,
                                         int width) {
    if (width < 1 || width > kMaxWidth) {
        throw std::invalid_argument("make_training_instance: width must be in [1, 64]");
    }
    training_instance inst;
    inst.words = std::move(words);
    inst.queries = std::move(queries);
    inst.width = width;
    inst.oracle = build_oracle(inst.words, inst.queries);

    const auto word_count = static_cast<std::uint32_t>(inst.words.size());
    for (std::uint32_t qi = 0; qi < inst.queries.size(); ++qi) {
        const auto& hits = inst.oracle.matches[qi];
        std::size_t next_hit = 0;
        for (std::uint32_t wi = 0; wi < word_count; ++wi) {
            if (next_hit < hits.size() && hits[next_hit] == wi) {
                ++next_hit;
                continue;
            }
            inst.negative_pairs.emplace_back(qi, wi);
        }
    }

    inst.word_bytes.reserve(inst.words.size());
    for (const auto& w : inst.words.words) {
        inst.word_bytes.push_back(distinct_bytes(w));
    }
    inst.query_bytes.reserve(inst.queries.size());
    for (const auto& q : inst.queries) {
        inst.query_bytes.push_back(distinct_bytes(q));
    }
    return inst;
}

objective_result objective(const partition& part, const training_instance& inst) {
    if (part.width() != inst.width) {
        throw std::invalid_argument("objective: partition width " + std::to_string(part.width()) +
                                    " != instance width " + std::to_string(inst.width));
    }
    std::vector<std::uint64_t> word_fp(inst.word_bytes.size(), 0);
    for (std::size_t i = 0; i < inst.word_bytes.size(); ++i) {
        std::uint64_t bits = 0;
        for (const std::uint8_t b : inst.word_bytes[i]) {
            bits |= std::uint64_t{1} << part.bin_of(b);
        }
        word_fp[i] = bits;
    }
    std::vector<std::uint64_t> query_fp(inst.query_bytes.size(), 0);
    for (std::size_t i = 0; i < inst.query_bytes.size(); ++i) {
        std::uint64_t bits = 0;
        for (const std::uint8_t b : inst.query_bytes[i]) {
            bits |= std::uint64_t{1} << part.bin_of(b);
        }
        query_fp[i] = bits;
    }

    objective_result result;
    result.total_negatives = static_cast<std::int64_t>(inst.negative_pairs.size());
    for (const auto& [qi, wi] : inst.negative_pairs) {
        if ((query_fp[qi] & ~word_fp[wi]) != 0) {
            ++result.correct;
        }
    }
    return result;
}

} // namespace strfp
