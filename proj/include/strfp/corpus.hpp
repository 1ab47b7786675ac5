#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "strfp/alphabet.hpp"

namespace strfp {

// What to do with input rows containing bytes outside the alphabet.
enum class ingest_policy : std::uint8_t {
    drop_row,  // exclude the row and count it
    keep_total // keep everything; fallback bins cover the stray bytes
};

// Ordered list of column values. Duplicates and order are preserved.
struct corpus {
    std::vector<std::string> words;
    alphabet alpha = alphabet::printable_ascii();
    std::uint64_t dropped_count = 0;

    std::size_t size() const { return words.size(); }
};

// Reads newline-delimited text. A trailing newline is optional; a single
// trailing '\r' per line is stripped so CRLF corpora load cleanly.
corpus load_corpus(std::istream& in, const alphabet& alpha, ingest_policy policy);
corpus load_corpus_file(const std::string& path, const alphabet& alpha, ingest_policy policy);

// Uniform sample without replacement of min(sample_size, available) words from
// the first min(block_size, corpus size) words. Corpus order is preserved in
// the sample.
corpus sample_training(const corpus& source, std::size_t block_size, std::size_t sample_size,
                       std::uint64_t seed);

} // namespace strfp
