#include "strfp/corpus.hpp"

#include <fstream>
#include <istream>

#include "strfp/errors.hpp"
#include "strfp/rng.hpp"

namespace strfp {

namespace {

bool all_members(const std::string& word, const alphabet& alpha) {
    for (unsigned char c : word) {
        if (!alpha.contains(c)) {
            return false;
        }
    }
    return true;
}

} // namespace

corpus load_corpus(std::istream& in, const alphabet& alpha, ingest_policy policy) {
    corpus corp;
    corp.alpha = alpha;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (policy == ingest_policy::drop_row && !all_members(line, alpha)) {
            ++corp.dropped_count;
            continue;
        }
        corp.words.push_back(line);
    }
    if (in.bad()) {
        throw data_error("corpus: read failed");
    }
    return corp;
}

corpus load_corpus_file(const std::string& path, const alphabet& alpha, ingest_policy policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open corpus file '" + path + "'");
    }
    return load_corpus(in, alpha, policy);
}

corpus sample_training(const corpus& source, std::size_t block_size, std::size_t sample_size,
                       std::uint64_t seed) {
    if (source.words.empty()) {
        throw data_error("sample_training: corpus is empty");
    }
    if (block_size < 1 || sample_size < 1) {
        throw std::invalid_argument("sample_training: block_size and sample_size must be >= 1");
    }
    const std::size_t block = std::min(block_size, source.words.size());
    rng_engine rng(seed);
    const auto picks = sample_indices(rng, block, std::min(sample_size, block));

    corpus sample;
    sample.alpha = source.alpha;
    sample.words.reserve(picks.size());
    for (const std::size_t i : picks) {
        sample.words.push_back(source.words[i]);
    }
    return sample;
}

} // namespace strfp
